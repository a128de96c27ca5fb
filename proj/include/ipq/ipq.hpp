#pragma once

#include "ipq/bath.hpp"
#include "ipq/collective.hpp"
#include "ipq/common.hpp"
#include "ipq/fock.hpp"
#include "ipq/individual.hpp"
#include "ipq/observables.hpp"
#include "ipq/oracle.hpp"
#include "ipq/pulse.hpp"
#include "ipq/qec.hpp"
#include "ipq/volterra.hpp"
#include "ipq/config.hpp"
#include "ipq/presets.hpp"
#include "ipq/qec_report.hpp"
#include "ipq/runner.hpp"
#include "ipq/verify.hpp"
