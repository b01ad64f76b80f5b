#include "fracwave/cli_support.hpp"
