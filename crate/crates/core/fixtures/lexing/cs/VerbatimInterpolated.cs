class VerbatimInterpolated
{
    string a = $@"パス {dir}\ファイル ""名前""";
    string b = @$"二行
{n} 件";
}
