using System;

namespace Shop.Web.Common
{
    /// <summary>Minimal console logger used by background jobs.</summary>
    public static class Logger
    {
        public static void Info(string message) => Console.WriteLine($"[INFO] {DateTime.UtcNow:O} {message}");

        // Errors go to standard error so that job runners can collect them.
        public static void Error(string message, Exception ex) =>
            Console.Error.WriteLine($"[ERROR] {message}: {ex.Message}");
    }
}
