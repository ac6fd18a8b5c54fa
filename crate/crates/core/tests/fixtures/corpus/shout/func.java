String shout(String s, boolean loud) {
    if (loud) {
        return s.toUpperCase();
    }
    return s.toLowerCase();
}
