//! Holds the `acceptance` test target; run it with `cargo test -p slet-validation --test acceptance`.
