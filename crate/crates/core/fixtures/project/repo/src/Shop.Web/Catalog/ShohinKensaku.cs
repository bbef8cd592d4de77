using System.Collections.Generic;
using System.Linq;

namespace Shop.Web.Catalog
{
    /// <summary>商品検索。カテゴリとキーワードで商品を検索する。</summary>
    public class ShohinKensaku
    {
        private readonly List<Shohin> shohin = new();

        // 検索キーワードは全角と半角を区別しない
        public IEnumerable<Shohin> Kensaku(string keyword, string category)
        {
            var k = keyword.Normalize(System.Text.NormalizationForm.FormKC);
            return shohin.Where(s => s.Category == category && s.Mei.Contains(k));
        }

        public record Shohin(string Code, string Mei, string Category, int Kakaku);
    }
}
