use super::{RuntimeError, Value};

/// Where nonce payloads come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonceSourceKind {
    SeededPrng(u64),
    SystemEntropy,
}

/// SplitMix64. Each 128-bit payload takes two consecutive outputs: the first
/// fills the high 64 bits, the second the low 64 bits.
#[derive(Debug, Clone)]
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Stateful nonce generator for one evaluation run. It also hands out the
/// creation ordinals used as nonce ids.
#[derive(Debug, Clone)]
pub struct NonceSource {
    kind: NonceSourceKind,
    prng: SplitMix64,
    created: u64,
}

impl NonceSource {
    pub fn new(kind: NonceSourceKind) -> Self {
        let seed = match kind {
            NonceSourceKind::SeededPrng(seed) => seed,
            NonceSourceKind::SystemEntropy => 0,
        };
        NonceSource {
            kind,
            prng: SplitMix64 { state: seed },
            created: 0,
        }
    }

    pub fn seeded(seed: u64) -> Self {
        NonceSource::new(NonceSourceKind::SeededPrng(seed))
    }

    pub fn system() -> Self {
        NonceSource::new(NonceSourceKind::SystemEntropy)
    }

    pub fn kind(&self) -> NonceSourceKind {
        self.kind
    }

    /// Number of nonces produced so far.
    pub fn created(&self) -> u64 {
        self.created
    }

    fn next_payload(&mut self) -> Result<u128, RuntimeError> {
        match self.kind {
            NonceSourceKind::SeededPrng(_) => {
                let hi = self.prng.next_u64() as u128;
                let lo = self.prng.next_u64() as u128;
                Ok((hi << 64) | lo)
            }
            NonceSourceKind::SystemEntropy => {
                let mut buf = [0u8; 16];
                getrandom::getrandom(&mut buf).map_err(|e| RuntimeError::EntropyUnavailable(e.to_string()))?;
                Ok(u128::from_be_bytes(buf))
            }
        }
    }
}

/// Produces the next nonce; its id is the number of nonces created before it.
pub fn fresh_nonce(source: &mut NonceSource) -> Result<Value, RuntimeError> {
    let payload = source.next_payload()?;
    let id = source.created;
    source.created += 1;
    Ok(Value::Nonce { id, payload })
}
