namespace Shop.Web.Common
{
    // Settings loaded from appsettings.json at startup.
    public class AppConfig
    {
        public string ConnectionString { get; set; } = "";
        public int PageSize { get; set; } = 20;
        public string MailHost { get; set; } = "localhost";
    }
}
