class KickCommand {
    boolean execute(boolean a, boolean b, boolean c) {
        if (a) {
            usage();
            return false;
        }
        prepare();
        if (b) {
            lookup();
            if (c) {
                kick();
            }
            broadcast();
        } else {
            notFound();
        }
        return true;
    }
}
