//! OpenQASM 2.0 subset parsing and writing (placeholder).
