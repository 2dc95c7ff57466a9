#pragma once

#include "tapcode/analysis.hpp"
#include "tapcode/bits.hpp"
#include "tapcode/code_core.hpp"
#include "tapcode/codec.hpp"
#include "tapcode/error.hpp"
#include "tapcode/protocol.hpp"
#include "tapcode/schemes.hpp"
#include "tapcode/timing.hpp"
#include "tapcode/utf8.hpp"
