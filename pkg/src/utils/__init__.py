# Configuration and exact rational helpers
