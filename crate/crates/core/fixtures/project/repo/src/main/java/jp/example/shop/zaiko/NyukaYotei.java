package jp.example.shop.zaiko;

import java.time.LocalDate;

/** 入荷予定。仕入先への発注から入荷日を計算する。 */
public class NyukaYotei {
    private final EigyobiCalendar calendar;

    public NyukaYotei(EigyobiCalendar calendar) {
        this.calendar = calendar;
    }

    // 発注日から仕入先のリードタイム分の営業日を足して入荷日を出す
    public LocalDate nyukabi(LocalDate hacchubi, int leadTime) {
        return calendar.plusEigyobi(hacchubi, leadTime);
    }

    public interface EigyobiCalendar {
        LocalDate plusEigyobi(LocalDate from, int days);
    }
}
