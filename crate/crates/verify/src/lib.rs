//! Holds the end-to-end acceptance suite (`cargo test -p galilei-verify`).
