#pragma once

namespace daeidx {

int run_cli(int argc, const char* const* argv);

}  // namespace daeidx
