int countdownSum(int n) {
    int s = 0;
    for (int i = n; i > 0; i--) {
        s += i * 2;
    }
    return s;
}
