int triangularPairs(int n) {
    int c = 0;
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < i; j++) {
            c++;
        }
    }
    return c;
}
