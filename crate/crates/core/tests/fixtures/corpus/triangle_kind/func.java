int triangleKind(int a, int b, int c) {
    if (a == b && b == c) {
        return 3;
    }
    if (a == b || b == c || a == c) {
        return 2;
    }
    if (a + b <= c) {
        return 0;
    }
    return 1;
}
