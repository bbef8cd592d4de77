class Crlf {
    // 改行コード
    /* 複数行
       コメント */
    String s = "値";
}
