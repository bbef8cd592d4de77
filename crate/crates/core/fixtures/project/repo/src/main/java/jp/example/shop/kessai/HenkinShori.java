package jp.example.shop.kessai;

/** 返金処理。決済を取消して金額を返す。 */
public class HenkinShori {
    private final KessaiGateway gateway;

    public HenkinShori(KessaiGateway gateway) {
        this.gateway = gateway;
    }

    // 一部返金の場合はポイントで付与した分を差し引く
    public void henkin(String chumonId, long kingaku) {
        if (kingaku <= 0) {
            throw new IllegalArgumentException("返金の金額が不正です");
        }
        gateway.kessai(chumonId, -kingaku);
    }
}
