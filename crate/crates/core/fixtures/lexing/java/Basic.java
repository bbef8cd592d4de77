// 在庫の確認
/* 注文の登録 */
/** 出荷の通知 */
class Basic {
    String s = "合計金額";
}
