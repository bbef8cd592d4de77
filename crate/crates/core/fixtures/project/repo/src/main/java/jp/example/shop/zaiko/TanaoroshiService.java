package jp.example.shop.zaiko;

import java.util.HashMap;
import java.util.Map;

// 棚卸サービス。帳簿の在庫と実在庫の差異を集計する
public class TanaoroshiService {
    private final ZaikoRepository repository;

    public TanaoroshiService(ZaikoRepository repository) {
        this.repository = repository;
    }

    /**
     * 棚卸の差異を計算する。
     * 差異がマイナスの場合は在庫調整を登録する。
     */
    public Map<String, Integer> sai(String soko, Map<String, Integer> jitsuZaiko) {
        Map<String, Integer> kekka = new HashMap<>();
        for (Map.Entry<String, Integer> e : jitsuZaiko.entrySet()) {
            int chobo = repository.find(soko, e.getKey());
            int diff = e.getValue() - chobo;
            if (diff != 0) {
                kekka.put(e.getKey(), diff);
            }
        }
        return kekka;
    }

    // 棚卸の確定。月末締めの後は更新できない
    public void kakutei(String soko, Map<String, Integer> sai) {
        sai.forEach((code, d) -> repository.adjust(soko, code, d));
    }
}
