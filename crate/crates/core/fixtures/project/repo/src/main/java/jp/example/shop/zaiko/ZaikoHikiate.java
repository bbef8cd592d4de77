package jp.example.shop.zaiko;

import java.util.List;
import java.util.Map;

/**
 * 在庫引当サービス。
 * 注文の数量を倉庫ごとの在庫から引き当てる。
 */
public class ZaikoHikiate {
    private final Map<String, Integer> zaikoSuryo;
    private final ZaikoRepository repository;

    public ZaikoHikiate(Map<String, Integer> zaikoSuryo, ZaikoRepository repository) {
        this.zaikoSuryo = zaikoSuryo;
        this.repository = repository;
    }

    // 倉庫の在庫を引き当てる。数量がマイナスにならないよう確認する
    public boolean hikiate(String soko, String shohinCode, int suryo) {
        int genzai = zaikoSuryo.getOrDefault(soko + ":" + shohinCode, 0);
        if (genzai < suryo) {
            // 在庫不足。引当できない
            return false;
        }
        zaikoSuryo.put(soko + ":" + shohinCode, genzai - suryo);
        repository.save(soko, shohinCode, genzai - suryo);
        return true;
    }

    /* 複数倉庫にまたがる引当。同時に更新されると数量がずれるため排他ロックを取る */
    public synchronized int hikiateBunkatsu(List<String> sokoList, String shohinCode, int suryo) {
        int nokori = suryo;
        for (String soko : sokoList) {
            int genzai = zaikoSuryo.getOrDefault(soko + ":" + shohinCode, 0);
            int tori = Math.min(genzai, nokori);
            if (tori > 0 && hikiate(soko, shohinCode, tori)) {
                nokori -= tori;
            }
        }
        return suryo - nokori;
    }
}
