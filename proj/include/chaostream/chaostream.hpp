#pragma once

#include "chaostream/analysis.hpp"
#include "chaostream/bitstream.hpp"
#include "chaostream/chaos.hpp"
#include "chaostream/errors.hpp"
#include "chaostream/key.hpp"
#include "chaostream/keystream.hpp"
#include "chaostream/nist.hpp"
#include "chaostream/report.hpp"
#include "chaostream/voice.hpp"
#include "chaostream/wav.hpp"
