// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/cli.hpp"

int main(int argc, char** argv) { return ccopt::cli_run(argc, argv); }
