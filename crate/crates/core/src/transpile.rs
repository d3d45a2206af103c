//! Circuit partitioning and end-to-end transpilation (placeholder).
