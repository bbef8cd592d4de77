using System;
using System.Collections.Generic;

namespace Shop.Web.Auth
{
    /// <summary>ログイン画面のコントローラ。</summary>
    public class LoginController
    {
        private readonly Dictionary<string, int> shippaiKaisu = new();
        private const int LockKijun = 5;

        // パスワード認証。五回失敗するとアカウントをロックする
        public string Login(string kaiinId, string password)
        {
            if (shippaiKaisu.TryGetValue(kaiinId, out var n) && n >= LockKijun)
            {
                return "アカウントがロックされています";
            }
            if (!Ninsho(kaiinId, password))
            {
                shippaiKaisu[kaiinId] = n + 1;
                return $"ログインに失敗しました（{n + 1}回目）";
            }
            shippaiKaisu.Remove(kaiinId);
            return "OK";
        }

        /* 認証の成功時に失敗回数を消す。ロック解除は管理画面から行う */
        private static bool Ninsho(string kaiinId, string password) => password.Length >= 8;
    }
}
