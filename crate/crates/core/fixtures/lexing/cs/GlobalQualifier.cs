class GlobalQualifier
{
    global::System.String s = $"{global::System.Math.Max(1, 2)} 件";
    int t = ok ? 1 : 2; // 三項演算子
}
