using System.Text;

namespace Shop.Web.Notify
{
    /// <summary>
    /// メール通知の送信。
    /// 注文確定と出荷の通知を送る。
    /// </summary>
    public class MailSender
    {
        private readonly Encoding encoding = Encoding.GetEncoding("iso-2022-jp");

        // 件名の文字化けを防ぐため件名もエンコードする
        public string Subject(string chumonId) => $"【注文確定】ご注文番号 {chumonId}";

        public string Body(string kaiinMei, string chumonId)
        {
            var sb = new StringBuilder();
            sb.AppendLine($"{kaiinMei} 様");
            sb.AppendLine(@"ご注文ありがとうございます。
出荷の準備ができ次第、通知メールを送信します。");
            return sb.ToString();
        }
    }
}
