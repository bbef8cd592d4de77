/**
 * 顧客の検索。
 * <p>全角と半角を区別しない。</p>
 *
 * @param keyword 検索キーワード
 */
interface Javadoc {
    void search(String keyword); // 非同期ではない
}
