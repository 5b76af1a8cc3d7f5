class BitInputStream {
    void read(boolean a, boolean b, boolean c, boolean d) {
        if (a) {
            one();

        } else if (b) {
            two();

        } else if (c) {
            three();

        } else if (d) {
            four();

        }
    }
}
