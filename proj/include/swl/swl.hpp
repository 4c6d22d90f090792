#pragma once

#include "swl/beamforming.hpp"
#include "swl/channel.hpp"
#include "swl/complex_signal.hpp"
#include "swl/config.hpp"
#include "swl/csv.hpp"
#include "swl/dpd.hpp"
#include "swl/errors.hpp"
#include "swl/experiments.hpp"
#include "swl/fft.hpp"
#include "swl/harvester.hpp"
#include "swl/linalg.hpp"
#include "swl/link.hpp"
#include "swl/memory_polynomial.hpp"
#include "swl/mpm_fit.hpp"
#include "swl/parallel.hpp"
#include "swl/re_region.hpp"
#include "swl/reference_amplifier.hpp"
#include "swl/rng.hpp"
#include "swl/spectrum.hpp"
#include "swl/stats.hpp"
#include "swl/units.hpp"
#include "swl/waveforms.hpp"
