class TextBlock {
    String sql = """
        SELECT * FROM 注文
        WHERE 状態 = "出荷済み"
        """;
    String esc = """
        三重引用 \""" の中
        """;
}
