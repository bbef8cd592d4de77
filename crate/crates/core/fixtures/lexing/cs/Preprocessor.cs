#region 在庫 領域
#if DEBUG // デバッグ 用
using System;
#endif
class Preprocessor
{
    #pragma warning disable CS0168
    string s = "値";
}
#endregion
