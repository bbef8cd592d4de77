class EmptyComments {
    //
    /**/
    String e = "";
    /* */
}
