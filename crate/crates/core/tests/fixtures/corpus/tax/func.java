int tax(int income) {
    if (income <= 1000) {
        return 0;
    } else if (income <= 5000) {
        return (income - 1000) / 10;
    }
    return 400 + (income - 5000) / 5;
}
