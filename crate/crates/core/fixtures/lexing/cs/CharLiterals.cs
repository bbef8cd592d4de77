class CharLiterals
{
    char q = '"';
    char s = '\'';
    char slash = '/';
    string after = "文字";
}
