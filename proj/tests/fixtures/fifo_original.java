class CircularFifoQueue {
    private int start;
    private int end;
    private boolean full;
    private int maxElements;

    public int size() {
        int size = 0;
        if (end < start) {
            size = maxElements - start + end;
        } else if (end == start) {
            size = full ? maxElements : 0;
        } else {
            size = end - start;
        }
        return size;
    }
}
