// SPDX-License-Identifier: Apache-2.0

pub mod bench;
pub mod circuit;
pub mod elim;
pub mod encode;
pub mod formula;
pub mod io;
pub mod oracle;
pub mod reconstruct;
