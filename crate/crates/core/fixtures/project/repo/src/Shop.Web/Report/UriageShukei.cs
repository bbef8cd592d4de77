using System;
using System.Collections.Generic;
using System.Linq;

namespace Shop.Web.Report
{
    /// <summary>売上集計。月末締めで月ごとの売上を集計する。</summary>
    public class UriageShukei
    {
        // 締め日の時刻は日本時間で判定する。タイムゾーンがずれると売上が翌月に計上される
        public IDictionary<string, long> Getsuji(IEnumerable<(DateTime at, long kingaku)> uriage)
        {
            var jst = TimeZoneInfo.FindSystemTimeZoneById("Asia/Tokyo");
            return uriage
                .GroupBy(u => TimeZoneInfo.ConvertTimeFromUtc(u.at, jst).ToString("yyyy-MM"))
                .ToDictionary(g => g.Key, g => g.Sum(u => u.kingaku));
        }

        /* 返品の金額は売上からマイナスで計上する */
        public long Henpin(long uriage, long henpin) => uriage - henpin;
    }
}
