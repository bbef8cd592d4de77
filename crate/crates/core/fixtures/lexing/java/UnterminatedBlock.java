class UnterminatedBlock {
    int x = 1;
    /* 閉じていない コメント
    int y = 2;
