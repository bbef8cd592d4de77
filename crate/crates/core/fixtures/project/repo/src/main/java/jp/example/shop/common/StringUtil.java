package jp.example.shop.common;

/** Small string helpers shared across modules. */
public final class StringUtil {
    private StringUtil() {}

    // Returns true when the value is null or only whitespace.
    public static boolean isBlank(String value) {
        return value == null || value.trim().isEmpty();
    }

    /* Pads a number with leading zeros to the given width. */
    public static String zeroPad(long value, int width) {
        StringBuilder sb = new StringBuilder(Long.toString(value));
        while (sb.length() < width) {
            sb.insert(0, '0');
        }
        return sb.toString();
    }
}
