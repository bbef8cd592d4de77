class Interpolated
{
    string a = $"合計 {total} 円";
    string b = $"{{括弧}} と {x}";
    string c = $"{(ok ? "はい" : "いいえ")} です";
    string d = $"日付 {date:yyyy/MM/dd} 締め";
}
