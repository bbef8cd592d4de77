// Plain English comment.
class NoJapanese
{
    string s = "hello";
    /* block */
}
