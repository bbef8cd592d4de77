class Escapes {
    String a = "\"引用\" と \\ 区切り";
    String b = "タブ\t改行\n終わり";
    String c = "\u3042 はユニコード";
    String d = "";
}
