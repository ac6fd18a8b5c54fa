int countMultiples(int n, int k) {
    int c = 0;
    for (int i = 1; i <= n; i++) {
        if (i % k == 0) {
            c++;
        }
    }
    return c;
}
