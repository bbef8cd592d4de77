using System;
using System.Collections.Concurrent;

namespace Shop.Web.Auth
{
    // セッション管理。一定時間操作がないとセッションが切れる
    public class SessionManager
    {
        private readonly ConcurrentDictionary<string, DateTime> saishuSosa = new();
        private readonly TimeSpan timeout = TimeSpan.FromMinutes(30);

        public bool IsValid(string sessionId, DateTime now)
        {
            // タイムアウトの判定。時刻はタイムゾーンを揃えて比較する
            return saishuSosa.TryGetValue(sessionId, out var t) && now - t < timeout;
        }

        public void Touch(string sessionId, DateTime now) => saishuSosa[sessionId] = now;
    }
}
