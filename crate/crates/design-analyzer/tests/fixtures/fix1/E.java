interface E {
    void run();
}
