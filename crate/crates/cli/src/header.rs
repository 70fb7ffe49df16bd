use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance object written at the top of every output file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub tool_version: String,
    pub config_hash: String,
    pub seed: u64,
}

impl Header {
    pub fn for_config<T: Serialize>(config: &T, seed: u64) -> Header {
        Header { tool_version: TOOL_VERSION.to_string(), config_hash: config_hash(config), seed }
    }
}

/// SHA-256 of the compact JSON form of `config`, as lowercase hex.
pub fn config_hash<T: Serialize>(config: &T) -> String {
    let bytes = serde_json::to_vec(config).expect("configs serialize");
    format!("{:x}", Sha256::digest(bytes))
}

/// A JSON output file: header plus body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<T> {
    pub header: Header,
    pub body: T,
}

impl<T: Serialize> Document<T> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

/// A CSV output file: one `#`-prefixed header line, then the table.
pub fn csv_document(header: &Header, table: &str) -> String {
    format!("# {}\n{table}", serde_json::to_string(header).expect("headers serialize"))
}

/// Strip the `#` header line from a CSV document.
pub fn csv_body(doc: &str) -> &str {
    match doc.strip_prefix('#') {
        Some(rest) => rest.split_once('\n').map_or("", |(_, body)| body),
        None => doc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_tracks_config() {
        let a = config_hash(&serde_json::json!({"n": 5}));
        assert_eq!(a.len(), 64);
        assert_eq!(a, config_hash(&serde_json::json!({"n": 5})));
        assert_ne!(a, config_hash(&serde_json::json!({"n": 6})));
    }

    #[test]
    fn csv_header_round_trip() {
        let h = Header::for_config(&1u8, 3);
        let doc = csv_document(&h, "a,b\n1,2\n");
        assert!(doc.starts_with("# {\"tool_version\""));
        assert_eq!(csv_body(&doc), "a,b\n1,2\n");
    }
}
