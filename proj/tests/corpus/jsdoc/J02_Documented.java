package com.example;

/**
 * Simple math helpers.
 */
public final class Documented {
    /**
     * Multiply two values.
     *
     * @param a first factor
     * @param b second factor
     * @return the product
     */
    public static long multiply(long a, long b) {
        return a * b;
    }

    /**
     * Greatest common divisor.
     * @param a first value
     */
    public static int gcd(int a, int b) {
        return b == 0 ? a : gcd(b, a % b);
    }
}
