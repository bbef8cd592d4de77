package jp.example.shop.haiso;

/** 送料の計算。配送先の地域と合計金額で決まる。 */
public class SoryoKeisan {
    private static final long MURYO_KIJUN = 5000;

    // 合計金額が基準以上なら送料は無料。離島は別料金
    public long soryo(String todofuken, long gokei, boolean ritou) {
        if (ritou) {
            return 1500;
        }
        if (gokei >= MURYO_KIJUN) {
            return 0;
        }
        return switch (todofuken) {
            case "北海道", "沖縄県" -> 1200;
            default -> 600;
        };
    }
}
