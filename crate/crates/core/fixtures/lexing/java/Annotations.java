import java.util.List;

@Description("在庫の管理")
class Annotations<T extends List<String>> {
    @Deprecated(since = "2.0") // 古い 引当
    void old() {
        Runnable r = () -> System.out.println("ラムダ");
    }
}
