//! Byte accounting for the arrays a construction allocates.

/// Tracks named live allocations and the high-water mark of their total.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MemoryAccountant {
    live: Vec<(&'static str, usize)>,
    current: usize,
    peak: usize,
}

impl MemoryAccountant {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records an allocation of `bytes` under `name`.
    pub fn alloc(&mut self, name: &'static str, bytes: usize) {
        self.live.push((name, bytes));
        self.current += bytes;
        self.peak = self.peak.max(self.current);
    }

    /// Releases the most recent allocation named `name`, if any.
    pub fn free(&mut self, name: &'static str) {
        if let Some(k) = self.live.iter().rposition(|&(n, _)| n == name) {
            let (_, bytes) = self.live.remove(k);
            self.current -= bytes;
        }
    }

    /// Bytes currently live.
    pub fn current(&self) -> usize {
        self.current
    }

    /// Largest total ever live at once.
    pub fn peak(&self) -> usize {
        self.peak
    }

    pub fn live(&self) -> &[(&'static str, usize)] {
        &self.live
    }
}

/// Heap bytes of a vector's buffer.
pub fn vec_bytes<T>(v: &Vec<T>) -> usize {
    v.capacity() * std::mem::size_of::<T>()
}

/// The process's peak resident set size (`VmHWM`), where the OS reports it.
pub fn os_peak_bytes() -> Option<usize> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: usize = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}
