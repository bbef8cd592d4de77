package jp.example.shop.chumon;

import java.util.HashSet;
import java.util.Set;

/**
 * 受注受付。
 * 画面から送信された注文を登録する。
 */
public class ChumonUketsuke {
    private final Set<String> uketsukeZumi = new HashSet<>();

    // 二重送信された注文は重複として登録しない
    public boolean uketsuke(Chumon chumon) {
        String key = chumon.kaiinId() + "/" + chumon.token();
        if (!uketsukeZumi.add(key)) {
            throw new IllegalStateException("注文が重複しています");
        }
        return true;
    }

    /* 注文の合計金額を計算する。単価と数量の積を足す */
    public long gokei(Chumon chumon) {
        long sum = 0;
        for (Chumon.Meisai m : chumon.meisai()) {
            sum += (long) m.tanka() * m.suryo();
        }
        return sum;
    }

    public record Chumon(String kaiinId, String token, java.util.List<Meisai> meisai) {
        public record Meisai(String shohinCode, int tanka, int suryo) {}
    }
}
