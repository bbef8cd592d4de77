class CharLiterals {
    char q = '"';
    char s = '\'';
    char slash = '/';
    String after = "文字の後";
}
