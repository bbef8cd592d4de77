class UnterminatedString {
    int x = 1;
}
String s = "閉じていない 文字列