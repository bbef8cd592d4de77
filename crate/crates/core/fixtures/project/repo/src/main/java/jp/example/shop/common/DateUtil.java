package jp.example.shop.common;

import java.time.DayOfWeek;
import java.time.LocalDate;
import java.util.Set;

/**
 * 日付の計算。
 * 営業日は土日と祝日を除く。
 */
public final class DateUtil {
    private final Set<LocalDate> shukujitsu;

    public DateUtil(Set<LocalDate> shukujitsu) {
        this.shukujitsu = shukujitsu;
    }

    // 営業日かどうか。祝日の振替も祝日一覧に含める
    public boolean isEigyobi(LocalDate d) {
        DayOfWeek w = d.getDayOfWeek();
        return w != DayOfWeek.SATURDAY && w != DayOfWeek.SUNDAY && !shukujitsu.contains(d);
    }

    // 月末の営業日。月末締めの日付に使う
    public LocalDate getsumatsuEigyobi(LocalDate d) {
        LocalDate x = d.withDayOfMonth(d.lengthOfMonth());
        while (!isEigyobi(x)) {
            x = x.minusDays(1);
        }
        return x;
    }
}
