/**
 * Core components of the synthetic subject system.
 */
package app.core;
