package jp.example.shop.chumon;

import jp.example.shop.kessai.HenkinShori;

// 注文の取消。出荷前ならキャンセルして返金する
public class ChumonTorikeshi {
    private final HenkinShori henkin;

    public ChumonTorikeshi(HenkinShori henkin) {
        this.henkin = henkin;
    }

    public String torikeshi(String chumonId, boolean shukkaZumi, long kingaku) {
        if (shukkaZumi) {
            // 出荷済みの注文は取消できない。返品として受け付ける
            return "出荷済みのため取消できません";
        }
        henkin.henkin(chumonId, kingaku);
        return "OK";
    }
}
