//! The book chapters, compiled as doc-tests so every snippet in the guide
//! keeps building and passing against the current `loosepath` API.
