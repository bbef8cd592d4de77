//! HTTP client for a JSON translation service.
//!
//! Request:  `POST {endpoint}` with `{"texts":[...],"source":"ja","target":"en"}`
//! and `Authorization: Bearer <token>`.
//! Response: `{"translations":[...]}`, same length and order as `texts`.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{TranslateError, TranslatorBackend};

/// Environment variable holding the service token.
pub const TOKEN_ENV: &str = "CROLOC_SERVICE_TOKEN";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServiceConfig {
    pub endpoint: String,
    #[serde(skip)]
    pub token: Option<String>,
    #[serde(default = "default_source")]
    pub source_lang: String,
    #[serde(default = "default_target")]
    pub target_lang: String,
    #[serde(default = "default_timeout", with = "millis")]
    pub timeout: Duration,
    #[serde(default = "default_attempts")]
    pub max_attempts: u32,
    /// Delay before the first retry; doubles per retry up to `max_backoff`.
    #[serde(default = "default_backoff", with = "millis")]
    pub initial_backoff: Duration,
    #[serde(default = "default_max_backoff", with = "millis")]
    pub max_backoff: Duration,
}

fn default_source() -> String {
    "ja".into()
}
fn default_target() -> String {
    "en".into()
}
fn default_timeout() -> Duration {
    Duration::from_secs(60)
}
fn default_attempts() -> u32 {
    3
}
fn default_backoff() -> Duration {
    Duration::from_millis(500)
}
fn default_max_backoff() -> Duration {
    Duration::from_secs(4)
}

mod millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        u64::deserialize(d).map(Duration::from_millis)
    }
}

impl ServiceConfig {
    pub fn new(endpoint: impl Into<String>) -> Self {
        Self {
            endpoint: endpoint.into(),
            token: None,
            source_lang: default_source(),
            target_lang: default_target(),
            timeout: default_timeout(),
            max_attempts: default_attempts(),
            initial_backoff: default_backoff(),
            max_backoff: default_max_backoff(),
        }
    }

    /// Fill `token` from [`TOKEN_ENV`] when unset.
    pub fn with_env_token(mut self) -> Self {
        if self.token.is_none() {
            self.token = std::env::var(TOKEN_ENV).ok().filter(|t| !t.is_empty());
        }
        self
    }

    fn backoff(&self, retry: u32) -> Duration {
        let factor = 1u32.checked_shl(retry).unwrap_or(u32::MAX);
        self.initial_backoff
            .checked_mul(factor)
            .unwrap_or(self.max_backoff)
            .min(self.max_backoff)
    }
}

#[derive(Serialize)]
struct Request<'a> {
    texts: &'a [String],
    source: &'a str,
    target: &'a str,
}

#[derive(Deserialize)]
struct Response {
    translations: Vec<String>,
}

pub struct ServiceBackend {
    config: ServiceConfig,
    agent: ureq::Agent,
}

impl ServiceBackend {
    pub fn new(config: ServiceConfig) -> Result<Self, TranslateError> {
        if config.endpoint.is_empty() {
            return Err(TranslateError::Config("service endpoint is empty".into()));
        }
        if config.max_attempts == 0 {
            return Err(TranslateError::Config("max_attempts must be at least 1".into()));
        }
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(config.timeout))
            .http_status_as_error(false)
            .build()
            .into();
        Ok(Self { config, agent })
    }

    fn attempt(&self, texts: &[String]) -> Result<Vec<String>, Attempt> {
        let body = Request {
            texts,
            source: &self.config.source_lang,
            target: &self.config.target_lang,
        };
        let mut request = self.agent.post(&self.config.endpoint);
        if let Some(token) = &self.config.token {
            request = request.header("Authorization", &format!("Bearer {token}"));
        }
        let mut response = request
            .send_json(&body)
            .map_err(|e| Attempt::Transient(TranslateError::Transport(e.to_string())))?;
        let status = response.status().as_u16();
        if !(200..300).contains(&status) {
            let body = response.body_mut().read_to_string().unwrap_or_default();
            let err = TranslateError::Status {
                status,
                body: body.chars().take(200).collect(),
            };
            let transient = status == 408 || status == 429 || status >= 500;
            return Err(if transient {
                Attempt::Transient(err)
            } else {
                Attempt::Fatal(err)
            });
        }
        let parsed: Response = response
            .body_mut()
            .read_json()
            .map_err(|e| Attempt::Fatal(TranslateError::Protocol(format!("bad response body: {e}"))))?;
        if parsed.translations.len() != texts.len() {
            return Err(Attempt::Fatal(TranslateError::Protocol(format!(
                "sent {} texts, received {} translations",
                texts.len(),
                parsed.translations.len()
            ))));
        }
        Ok(parsed.translations)
    }
}

enum Attempt {
    Transient(TranslateError),
    Fatal(TranslateError),
}

impl TranslatorBackend for ServiceBackend {
    fn name(&self) -> &str {
        "service"
    }

    fn translate_batch(&self, texts: &[String]) -> Result<Vec<String>, TranslateError> {
        if texts.is_empty() {
            return Ok(Vec::new());
        }
        let mut retry = 0;
        loop {
            match self.attempt(texts) {
                Ok(out) => return Ok(out),
                Err(Attempt::Fatal(e)) => return Err(e),
                Err(Attempt::Transient(e)) => {
                    retry += 1;
                    if retry >= self.config.max_attempts {
                        return Err(e);
                    }
                    log::warn!("translation request failed ({e}); retry {retry}");
                    std::thread::sleep(self.config.backoff(retry - 1));
                }
            }
        }
    }
}

/// Translate one batch through the service.
pub fn service_translate_batch(
    texts: &[String],
    config: &ServiceConfig,
) -> Result<Vec<String>, TranslateError> {
    ServiceBackend::new(config.clone())?.translate_batch(texts)
}
