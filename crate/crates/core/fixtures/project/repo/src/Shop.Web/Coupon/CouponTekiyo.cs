using System;

namespace Shop.Web.Coupon
{
    /// <summary>
    /// クーポンの適用。
    /// 有効期限と割引の上限を確認して割引額を計算する。
    /// </summary>
    public class CouponTekiyo
    {
        // 有効期限の当日は利用できる。日付の比較は日本時間で行う
        public bool Yuko(DateTime kigen, DateTime now) => now.Date <= kigen.Date;

        /* 割引額は合計金額を超えない。送料には割引を適用しない */
        public long Waribiki(long gokei, long waribikiGaku) => Math.Min(gokei, waribikiGaku);
    }
}
