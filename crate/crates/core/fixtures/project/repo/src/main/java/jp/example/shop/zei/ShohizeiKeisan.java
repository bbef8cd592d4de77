package jp.example.shop.zei;

import java.math.BigDecimal;
import java.math.RoundingMode;

/**
 * 消費税の計算。
 * 税率ごとに合計して端数を切り捨てる。
 */
public class ShohizeiKeisan {
    public static final BigDecimal HYOJUN = new BigDecimal("0.10");
    public static final BigDecimal KEIGEN = new BigDecimal("0.08");

    // 端数の丸めは明細ごとではなく税率ごとの合計に対して行う
    public long zeigaku(long gokei, boolean keigen) {
        BigDecimal ritsu = keigen ? KEIGEN : HYOJUN;
        return BigDecimal.valueOf(gokei)
                .multiply(ritsu)
                .setScale(0, RoundingMode.DOWN)
                .longValueExact();
    }

    /* 税込金額。切り捨てた消費税を足す */
    public long zeikomi(long gokei, boolean keigen) {
        return gokei + zeigaku(gokei, keigen);
    }
}
