class Raw
{
    string a = """生の "文字列" です""";
    string b = """"
        四重 """ を含む
        """";
}
