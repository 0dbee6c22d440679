# Infrastructure module
