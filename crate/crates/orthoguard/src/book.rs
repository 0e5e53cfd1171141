//! The chapters of the guide in `book/` compiled as doctests, so the code
//! shown there always builds against the current API.

#[doc = include_str!("../../../book/src/file-format.md")]
pub mod file_format {}

#[doc = include_str!("../../../book/src/bricks-and-contacts.md")]
pub mod bricks_and_contacts {}

#[doc = include_str!("../../../book/src/contact-types.md")]
pub mod contact_types {}

#[doc = include_str!("../../../book/src/guarding.md")]
pub mod guarding {}

#[doc = include_str!("../../../book/src/verifying.md")]
pub mod verifying {}

#[doc = include_str!("../../../book/src/generators.md")]
pub mod generators {}
