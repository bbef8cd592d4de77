class Verbatim
{
    string path = @"C:\データ\在庫";
    string quoted = @"彼は ""はい"" と言った";
    string multi = @"一行目
二行目";
}
