//! SHA-256 over length-framed fields, hex encoded. Framing keeps
//! `("ab", "c")` and `("a", "bc")` apart.

use sha2::{Digest as _, Sha256};

#[derive(Default)]
pub struct Hasher(Sha256);

impl Hasher {
    pub fn new() -> Self {
        Hasher(Sha256::new())
    }

    pub fn field(mut self, bytes: impl AsRef<[u8]>) -> Self {
        let b = bytes.as_ref();
        self.0.update((b.len() as u64).to_le_bytes());
        self.0.update(b);
        self
    }

    pub fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}

pub fn digest_fields<I, B>(fields: I) -> String
where
    I: IntoIterator<Item = B>,
    B: AsRef<[u8]>,
{
    fields.into_iter().fold(Hasher::new(), |h, f| h.field(f)).finish()
}

/// First eight bytes of a digest as an integer, for seeding.
pub fn seed_of(digest_hex: &str) -> u64 {
    let bytes = hex::decode(&digest_hex[..16]).expect("digests are hex");
    u64::from_le_bytes(bytes.try_into().expect("eight bytes"))
}
