def maskedXor(a, b):
    return (a ^ b) & 255
