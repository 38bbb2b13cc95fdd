// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(weakcurrent::cli::dispatch(std::env::args_os()));
}
