using System.Collections.Generic;
using System.Linq;

namespace Shop.Web.Catalog
{
    // レビューの評価。商品ごとの平均評価を表示する
    public class ReviewHyoka
    {
        public double Heikin(IReadOnlyCollection<int> hyoka)
        {
            // レビューがゼロ件の場合は平均を計算しない
            return hyoka.Count == 0 ? 0.0 : hyoka.Average();
        }

        public string Hyoji(double heikin) => $"{heikin:F1} / 5";
    }
}
