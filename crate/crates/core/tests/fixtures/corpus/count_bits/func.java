int countBits(int n) {
    int c = 0;
    while (n > 0) {
        c += n & 1;
        n = n >> 1;
    }
    return c;
}
