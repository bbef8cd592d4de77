package jp.example.shop.kessai;

import java.time.Duration;

/**
 * 決済ゲートウェイ。
 * 外部の決済サービスにリクエストを送信する。
 */
public class KessaiGateway {
    private final Duration timeout = Duration.ofSeconds(30);
    private final HttpPort http;

    public KessaiGateway(HttpPort http) {
        this.http = http;
    }

    // 決済のタイムアウト。応答がない場合は二重決済を防ぐため取引を照会する
    public String kessai(String chumonId, long kingaku) {
        try {
            return http.post("/charge", chumonId, kingaku, timeout);
        } catch (java.io.UncheckedIOException e) {
            return http.get("/charge/" + chumonId);
        }
    }

    public interface HttpPort {
        String post(String path, String id, long amount, Duration timeout);

        String get(String path);
    }
}
