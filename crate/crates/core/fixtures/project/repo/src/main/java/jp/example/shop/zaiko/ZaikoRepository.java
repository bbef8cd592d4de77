package jp.example.shop.zaiko;

public interface ZaikoRepository {
    int find(String warehouse, String productCode);

    void save(String warehouse, String productCode, int quantity);

    void adjust(String warehouse, String productCode, int delta);
}
