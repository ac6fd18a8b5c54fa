int sumRange(int a, int b) {
    int s = 0;
    for (int i = a; i <= b; i++) {
        s += i;
    }
    return s;
}
