//! Holds the `acceptance` test target, kept in its own package so the gate
//! runs after every other test binary of the workspace.
