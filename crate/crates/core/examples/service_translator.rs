//! Translate through the HTTP service backend. A tiny local server stands in
//! for the real service; it fails once to show the retry.
//!
//! ```bash
//! cargo run -p croloc --example service_translator
//! ```

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::thread;
use std::time::Duration;

use croloc::translate::{ServiceBackend, ServiceConfig, TranslatorBackend};

fn stub_server(listener: TcpListener) {
    for (n, stream) in listener.incoming().enumerate() {
        let mut stream = stream.unwrap();
        let mut reader = BufReader::new(stream.try_clone().unwrap());
        let mut length = 0;
        loop {
            let mut line = String::new();
            reader.read_line(&mut line).unwrap();
            if line == "\r\n" {
                break;
            }
            if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                length = v.trim().parse().unwrap();
            }
        }
        let mut body = vec![0; length];
        reader.read_exact(&mut body).unwrap();
        let request: serde_json::Value = serde_json::from_slice(&body).unwrap();
        let (status, reply) = if n == 0 {
            (503, String::from("{}"))
        } else {
            let texts: Vec<String> = request["texts"]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| format!("<en>{}</en>", t.as_str().unwrap()))
                .collect();
            (200, serde_json::json!({ "translations": texts }).to_string())
        };
        write!(
            stream,
            "HTTP/1.1 {status} X\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{reply}",
            reply.len()
        )
        .unwrap();
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let listener = TcpListener::bind("127.0.0.1:0")?;
    let endpoint = format!("http://{}/translate", listener.local_addr()?);
    thread::spawn(move || stub_server(listener));

    let mut config = ServiceConfig::new(endpoint).with_env_token();
    config.initial_backoff = Duration::from_millis(50);
    let backend = ServiceBackend::new(config)?;
    let texts = vec!["在庫引当".to_string(), "送料".to_string()];
    for (ja, en) in texts.iter().zip(backend.translate_batch(&texts)?) {
        println!("{ja} -> {en}");
    }
    Ok(())
}
