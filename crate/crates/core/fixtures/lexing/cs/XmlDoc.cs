/// <summary>在庫を確認する。</summary>
/// <param name="code">商品コード</param>
public class XmlDoc
{
    public int Check(string code) => 0; // 戻り値は 数量
}
