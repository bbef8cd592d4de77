class Halfwidth {
    // ｶﾀｶﾅ の 半角
    String kana = "ﾃｽﾄ";
}
