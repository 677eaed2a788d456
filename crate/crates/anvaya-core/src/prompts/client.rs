//! Chat-completion endpoint client with request logging and a
//! record/replay cassette for offline reruns.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Endpoint configuration for a generic chat-completion service.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointConfig {
    /// Base URL; requests go to `{base_url}/chat/completions`.
    pub base_url: String,
    pub model: String,
    /// Name of the environment variable holding the API key; no
    /// Authorization header is sent when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub api_key_env: Option<String>,
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
    #[serde(default = "default_retries")]
    pub max_retries: u32,
}

fn default_timeout() -> u64 {
    60
}

fn default_retries() -> u32 {
    2
}

/// Query failure.
#[derive(Debug, thiserror::Error)]
pub enum QueryError {
    #[error("network error talking to {url} (retries exhausted: {retries_exhausted}): {reason}")]
    Network {
        url: String,
        reason: String,
        retries_exhausted: bool,
    },
    #[error("endpoint returned status {status}: {body}")]
    Status { status: u16, body: String },
    #[error("environment variable {var} with the API key is not set")]
    MissingApiKey { var: String },
    #[error("response had no completion text: {body}")]
    MalformedResponse { body: String },
    #[error("cassette {path} has no entry for prompt hash {hash}")]
    CassetteMiss { path: String, hash: String },
    #[error("cassette io: {0}")]
    CassetteIo(#[from] std::io::Error),
}

/// Hex SHA-256 of the prompt text; the key used for logging and replay.
pub fn prompt_hash(prompt: &str) -> String {
    hex::encode(Sha256::digest(prompt.as_bytes()))
}

/// One log / cassette line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogEntry {
    pub timestamp: String,
    pub prompt_hash: String,
    pub model: String,
    pub raw_response: String,
}

/// How a [`ModelClient`] resolves queries.
#[derive(Debug, Clone)]
pub enum ClientMode {
    /// Send every query to the endpoint.
    Live(EndpointConfig),
    /// Send to the endpoint and append each response to a cassette.
    Record(EndpointConfig, PathBuf),
    /// Resolve queries from a cassette only; no network.
    Replay(PathBuf),
}

#[derive(Debug, Clone)]
pub struct ModelClient {
    mode: ClientMode,
    log_path: Option<PathBuf>,
}

impl ModelClient {
    pub fn new(mode: ClientMode) -> Self {
        ModelClient {
            mode,
            log_path: None,
        }
    }

    /// Append every request/response pair to a jsonl log.
    pub fn with_log(mut self, path: impl Into<PathBuf>) -> Self {
        self.log_path = Some(path.into());
        self
    }

    /// Send `prompt` and return the completion text verbatim.
    pub fn query(&self, prompt: &str) -> Result<String, QueryError> {
        let hash = prompt_hash(prompt);
        let (raw, model) = match &self.mode {
            ClientMode::Live(config) => (query_endpoint(prompt, config)?, config.model.clone()),
            ClientMode::Record(config, cassette) => {
                let raw = query_endpoint(prompt, config)?;
                append_entry(cassette, &hash, &config.model, &raw)?;
                (raw, config.model.clone())
            }
            ClientMode::Replay(cassette) => {
                let entry = lookup_entry(cassette, &hash)?;
                (entry.raw_response, entry.model)
            }
        };
        if let Some(log) = &self.log_path {
            append_entry(log, &hash, &model, &raw)?;
        }
        Ok(raw)
    }
}

/// One-shot query against an endpoint configuration.
pub fn query_model(prompt: &str, config: &EndpointConfig) -> Result<String, QueryError> {
    ModelClient::new(ClientMode::Live(config.clone())).query(prompt)
}

#[derive(Serialize)]
struct ChatRequest<'a> {
    model: &'a str,
    messages: Vec<ChatMessage<'a>>,
    temperature: f64,
}

#[derive(Serialize)]
struct ChatMessage<'a> {
    role: &'a str,
    content: &'a str,
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<ChatChoice>,
}

#[derive(Deserialize)]
struct ChatChoice {
    message: ChatResponseMessage,
}

#[derive(Deserialize)]
struct ChatResponseMessage {
    content: String,
}

fn query_endpoint(prompt: &str, config: &EndpointConfig) -> Result<String, QueryError> {
    let url = format!("{}/chat/completions", config.base_url.trim_end_matches('/'));
    let api_key = match &config.api_key_env {
        Some(var) => Some(std::env::var(var).map_err(|_| QueryError::MissingApiKey {
            var: var.clone(),
        })?),
        None => None,
    };
    let client = reqwest::blocking::Client::builder()
        .timeout(Duration::from_secs(config.timeout_secs))
        .build()
        .map_err(|e| QueryError::Network {
            url: url.clone(),
            reason: e.to_string(),
            retries_exhausted: false,
        })?;

    let body = ChatRequest {
        model: &config.model,
        messages: vec![ChatMessage {
            role: "user",
            content: prompt,
        }],
        temperature: 0.0,
    };

    let mut last_error = String::new();
    for _attempt in 0..=config.max_retries {
        let mut request = client.post(&url).json(&body);
        if let Some(key) = &api_key {
            request = request.bearer_auth(key);
        }
        match request.send() {
            Ok(response) => {
                let status = response.status();
                let text = response.text().unwrap_or_default();
                if !status.is_success() {
                    return Err(QueryError::Status {
                        status: status.as_u16(),
                        body: text,
                    });
                }
                let parsed: ChatResponse =
                    serde_json::from_str(&text).map_err(|_| QueryError::MalformedResponse {
                        body: text.clone(),
                    })?;
                return parsed
                    .choices
                    .into_iter()
                    .next()
                    .map(|c| c.message.content)
                    .ok_or(QueryError::MalformedResponse { body: text });
            }
            Err(e) => last_error = e.to_string(),
        }
    }
    Err(QueryError::Network {
        url,
        reason: last_error,
        retries_exhausted: true,
    })
}

fn append_entry(
    path: &PathBuf,
    hash: &str,
    model: &str,
    raw_response: &str,
) -> Result<(), QueryError> {
    let entry = LogEntry {
        timestamp: chrono::Utc::now().to_rfc3339(),
        prompt_hash: hash.to_string(),
        model: model.to_string(),
        raw_response: raw_response.to_string(),
    };
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(file, "{}", serde_json::to_string(&entry).expect("entry serializes"))?;
    Ok(())
}

fn lookup_entry(path: &PathBuf, hash: &str) -> Result<LogEntry, QueryError> {
    let file = std::fs::File::open(path)?;
    let mut found = None;
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if let Ok(entry) = serde_json::from_str::<LogEntry>(&line) {
            if entry.prompt_hash == hash {
                found = Some(entry);
            }
        }
    }
    found.ok_or_else(|| QueryError::CassetteMiss {
        path: path.display().to_string(),
        hash: hash.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Read;
    use std::net::TcpListener;

    /// Minimal one-shot HTTP stub returning a canned chat completion.
    fn spawn_stub(content: &str) -> (String, std::thread::JoinHandle<()>) {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        let body = serde_json::json!({
            "choices": [{"message": {"role": "assistant", "content": content}}]
        })
        .to_string();
        let handle = std::thread::spawn(move || {
            if let Ok((mut stream, _)) = listener.accept() {
                let mut buf = [0u8; 8192];
                let _ = stream.read(&mut buf);
                let response = format!(
                    "HTTP/1.1 200 OK\r\ncontent-type: application/json\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{}",
                    body.len(),
                    body
                );
                let _ = stream.write_all(response.as_bytes());
            }
        });
        (format!("http://{addr}"), handle)
    }

    fn config(base_url: String) -> EndpointConfig {
        EndpointConfig {
            base_url,
            model: "stub-model".into(),
            api_key_env: None,
            timeout_secs: 5,
            max_retries: 0,
        }
    }

    #[test]
    fn echo_stub_round_trip() {
        let (url, handle) = spawn_stub("<prose>x</prose>");
        let got = query_model("any prompt", &config(url)).unwrap();
        assert_eq!(got, "<prose>x</prose>");
        handle.join().unwrap();
    }

    #[test]
    fn unreachable_host_exhausts_retries() {
        // Port 1 is never listening.
        let mut cfg = config("http://127.0.0.1:1".into());
        cfg.max_retries = 1;
        match query_model("p", &cfg) {
            Err(QueryError::Network {
                retries_exhausted, ..
            }) => assert!(retries_exhausted),
            other => panic!("expected network error, got {other:?}"),
        }
    }

    #[test]
    fn missing_api_key_env_is_reported() {
        let mut cfg = config("http://127.0.0.1:1".into());
        cfg.api_key_env = Some("ANVAYA_TEST_KEY_THAT_IS_NOT_SET".into());
        assert!(matches!(
            query_model("p", &cfg),
            Err(QueryError::MissingApiKey { .. })
        ));
    }

    #[test]
    fn replay_returns_recorded_response_byte_identically() {
        let dir = tempfile::tempdir().unwrap();
        let cassette = dir.path().join("cassette.jsonl");
        let prompt = "convert this śloka";
        let recorded = "<think>\nsteps\n</think>\n<prose>saḥ gacchati</prose>";
        append_entry(&cassette, &prompt_hash(prompt), "stub-model", recorded).unwrap();

        let client = ModelClient::new(ClientMode::Replay(cassette));
        assert_eq!(client.query(prompt).unwrap(), recorded);
        assert!(matches!(
            client.query("some other prompt"),
            Err(QueryError::CassetteMiss { .. })
        ));
    }

    #[test]
    fn record_mode_appends_then_replays() {
        let dir = tempfile::tempdir().unwrap();
        let cassette = dir.path().join("cassette.jsonl");
        let (url, handle) = spawn_stub("recorded text");
        let client = ModelClient::new(ClientMode::Record(config(url), cassette.clone()));
        assert_eq!(client.query("prompt a").unwrap(), "recorded text");
        handle.join().unwrap();

        let replay = ModelClient::new(ClientMode::Replay(cassette));
        assert_eq!(replay.query("prompt a").unwrap(), "recorded text");
    }

    #[test]
    fn log_records_prompt_hash_and_model() {
        let dir = tempfile::tempdir().unwrap();
        let cassette = dir.path().join("cassette.jsonl");
        let log = dir.path().join("log.jsonl");
        append_entry(&cassette, &prompt_hash("p"), "m", "r").unwrap();
        let client = ModelClient::new(ClientMode::Replay(cassette)).with_log(log.clone());
        client.query("p").unwrap();

        let logged = std::fs::read_to_string(log).unwrap();
        let entry: LogEntry = serde_json::from_str(logged.lines().next().unwrap()).unwrap();
        assert_eq!(entry.prompt_hash, prompt_hash("p"));
        assert_eq!(entry.model, "m");
        assert_eq!(entry.raw_response, "r");
    }
}
