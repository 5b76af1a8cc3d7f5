class MyBitInputStream {
    private int bitCache;
    private int bitsInCache;

    int readBits(int sampleBits, int sampleMask) {
        int sample;
        sample = sampleMask & this.bitCache >> this.bitsInCache - sampleBits;
        return sample;
    }
}
