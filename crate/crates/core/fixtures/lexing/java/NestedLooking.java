class NestedLooking {
    /* 外側 /* 内側 */ int x = 1;
    int y = 2; // 末尾 */ ではない
}
