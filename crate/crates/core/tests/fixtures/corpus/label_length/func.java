int labelLength(String s) {
    if (s.isEmpty()) {
        return -1;
    }
    return s.length();
}
