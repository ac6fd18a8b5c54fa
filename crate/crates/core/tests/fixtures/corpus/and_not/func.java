boolean andNot(boolean a, boolean b) {
    return a && !b;
}
