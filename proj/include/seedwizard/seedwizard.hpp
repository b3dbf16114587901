#pragma once

#include "seedwizard/analysis/annotate.hpp"
#include "seedwizard/analysis/entities.hpp"
#include "seedwizard/analysis/fetch.hpp"
#include "seedwizard/analysis/html_text.hpp"
#include "seedwizard/analysis/stopwords.hpp"
#include "seedwizard/analysis/textrank.hpp"
#include "seedwizard/federation/federation.hpp"
#include "seedwizard/federation/live_connectors.hpp"
#include "seedwizard/persistence/event_store.hpp"
#include "seedwizard/service/api.hpp"
#include "seedwizard/service/server.hpp"
#include "seedwizard/spec/repository.hpp"
