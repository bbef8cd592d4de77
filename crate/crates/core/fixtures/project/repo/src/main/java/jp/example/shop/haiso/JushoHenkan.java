package jp.example.shop.haiso;

import java.text.Normalizer;

/**
 * 住所の変換。
 * 全角の数字とハイフンを半角に変換して郵便番号を検証する。
 */
public class JushoHenkan {
    // 郵便番号は半角の数字七桁。全角で入力されても変換して受け付ける
    public String yubinBango(String input) {
        String s = Normalizer.normalize(input, Normalizer.Form.NFKC).replace("-", "");
        if (!s.matches("\\d{7}")) {
            throw new IllegalArgumentException("郵便番号が不正です: " + input);
        }
        return s.substring(0, 3) + "-" + s.substring(3);
    }

    public String jusho(String todofuken, String shikuchoson, String banchi) {
        return todofuken + shikuchoson + Normalizer.normalize(banchi, Normalizer.Form.NFKC);
    }
}
