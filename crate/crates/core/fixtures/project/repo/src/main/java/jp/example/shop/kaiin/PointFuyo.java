package jp.example.shop.kaiin;

/**
 * ポイント付与。
 * 会員ランクに応じて注文金額のポイントを付与する。
 */
public class PointFuyo {
    // 付与率は会員ランクで変わる。クーポンの割引後の金額に対して計算する
    public long fuyo(String rank, long kingaku) {
        double ritsu = switch (rank) {
            case "GOLD" -> 0.03;
            case "SILVER" -> 0.02;
            default -> 0.01;
        };
        return (long) Math.floor(kingaku * ritsu);
    }

    // ポイントの有効期限は最終利用日から一年
    public java.time.LocalDate kigen(java.time.LocalDate saishuRiyobi) {
        return saishuRiyobi.plusYears(1);
    }
}
