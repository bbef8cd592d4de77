class UnicodeIdentifiers {
    int 在庫数 = 0; // 在庫の数量
    String 商品名 = "テスト商品";
}
