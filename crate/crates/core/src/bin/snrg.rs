// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    let code = snrg::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
