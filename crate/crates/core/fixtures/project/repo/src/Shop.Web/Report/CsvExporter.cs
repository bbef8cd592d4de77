using System.Collections.Generic;
using System.Text;

namespace Shop.Web.Report
{
    // 帳票のCSV出力
    public class CsvExporter
    {
        private static readonly string[] Header = { "注文番号", "会員", "合計金額", "出荷日" };

        public string Export(IEnumerable<string[]> rows)
        {
            var sb = new StringBuilder();
            sb.AppendLine(string.Join(",", Header));
            foreach (var r in rows)
            {
                // 値にカンマを含む場合はダブルクォートで囲む
                sb.AppendLine(string.Join(",", System.Array.ConvertAll(r, Quote)));
            }
            return sb.ToString();
        }

        private static string Quote(string v) => v.Contains(',') ? $"\"{v.Replace("\"", "\"\"")}\"" : v;
    }
}
