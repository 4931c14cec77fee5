# Verification ledger (SQLite)
