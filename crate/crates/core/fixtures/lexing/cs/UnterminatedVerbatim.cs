class UnterminatedVerbatim
{
    string s = @"閉じて
いない