int boundedSum(int n) {
    int i = 0;
    int s = 0;
    while (true) {
        if (i > n) {
            break;
        }
        s += i;
        i++;
    }
    return s;
}
