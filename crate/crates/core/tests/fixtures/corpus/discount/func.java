double discount(double price, boolean member) {
    double rate = 0.0;
    if (member) {
        rate = 0.1;
    }
    if (price > 100.0) {
        rate += 0.05;
    }
    return price * (1.0 - rate);
}
