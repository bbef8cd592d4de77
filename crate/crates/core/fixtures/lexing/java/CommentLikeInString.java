class CommentLikeInString {
    String url = "http://example.com/在庫";
    String block = "/* コメントではない */";
    // 本当のコメント "引用符付き"
}
